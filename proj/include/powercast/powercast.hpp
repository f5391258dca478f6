#pragma once

#include "powercast/csv.hpp"
#include "powercast/dataset.hpp"
#include "powercast/default_schema.hpp"
#include "powercast/errors.hpp"
#include "powercast/json_io.hpp"
#include "powercast/metrics.hpp"
#include "powercast/mlp.hpp"
#include "powercast/normalizer.hpp"
#include "powercast/permimp.hpp"
#include "powercast/pipeline.hpp"
#include "powercast/rng.hpp"
#include "powercast/schema.hpp"
#include "powercast/split.hpp"
#include "powercast/svg.hpp"
#include "powercast/synthgen.hpp"
