#pragma once

#include "zmod/analytic.hpp"
#include "zmod/anneal.hpp"
#include "zmod/error.hpp"
#include "zmod/generators.hpp"
#include "zmod/graph.hpp"
#include "zmod/metrics.hpp"
#include "zmod/partition.hpp"
#include "zmod/quality.hpp"
#include "zmod/random.hpp"
