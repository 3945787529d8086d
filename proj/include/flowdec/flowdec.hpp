#pragma once

#include "flowdec/error.hpp"
#include "flowdec/graph.hpp"
#include "flowdec/min_flow.hpp"
#include "flowdec/decomposition.hpp"
#include "flowdec/decomposers.hpp"
#include "flowdec/exact.hpp"
#include "flowdec/structure.hpp"
#include "flowdec/generators.hpp"
#include "flowdec/io.hpp"
