#pragma once

#include "tdiff/bench.hpp"
#include "tdiff/diffusion.hpp"
#include "tdiff/errors.hpp"
#include "tdiff/exact.hpp"
#include "tdiff/flow_network.hpp"
#include "tdiff/generators.hpp"
#include "tdiff/graph.hpp"
#include "tdiff/heuristics.hpp"
#include "tdiff/instance.hpp"
#include "tdiff/lp.hpp"
#include "tdiff/max_flow.hpp"
#include "tdiff/relaxation.hpp"
#include "tdiff/rounding.hpp"
