#pragma once

// Exact piecewise set-valued maps on a real interval: compact value sets,
// classification against the minimal usco and cusco classes, the
// convexification bijection with its inverse, map metrics with certified
// brackets, built-in examples, and plotting.

#include "svmap/compact_set.hpp"
#include "svmap/corpus.hpp"
#include "svmap/enclosure.hpp"
#include "svmap/errors.hpp"
#include "svmap/expr.hpp"
#include "svmap/format.hpp"
#include "svmap/map_io.hpp"
#include "svmap/metrics.hpp"
#include "svmap/parse.hpp"
#include "svmap/piecewise_map.hpp"
#include "svmap/svg.hpp"
