#pragma once

#include "lapgraph/analysis.hpp"
#include "lapgraph/catalog.hpp"
#include "lapgraph/error.hpp"
#include "lapgraph/floquet.hpp"
#include "lapgraph/graph.hpp"
#include "lapgraph/hermite.hpp"
#include "lapgraph/index2.hpp"
#include "lapgraph/intervals.hpp"
#include "lapgraph/io.hpp"
#include "lapgraph/oracle.hpp"
#include "lapgraph/spectrum.hpp"
