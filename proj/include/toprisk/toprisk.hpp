#pragma once

#include "toprisk/analysis.hpp"
#include "toprisk/bottleneck.hpp"
#include "toprisk/diagram_io.hpp"
#include "toprisk/error.hpp"
#include "toprisk/filtration.hpp"
#include "toprisk/ingest.hpp"
#include "toprisk/persistence.hpp"
#include "toprisk/point_cloud.hpp"
#include "toprisk/random.hpp"
#include "toprisk/report_json.hpp"
#include "toprisk/rips_persistence.hpp"
#include "toprisk/risk_classic.hpp"
#include "toprisk/tvard.hpp"
