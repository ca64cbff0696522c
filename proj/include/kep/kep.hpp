#pragma once

#include "kep/analysis.hpp"
#include "kep/bench.hpp"
#include "kep/color_coding.hpp"
#include "kep/dp_exact.hpp"
#include "kep/dp_repset.hpp"
#include "kep/error.hpp"
#include "kep/generate.hpp"
#include "kep/io.hpp"
#include "kep/model.hpp"
#include "kep/oracle.hpp"
#include "kep/part1.hpp"
#include "kep/repset.hpp"
#include "kep/solve_result.hpp"
#include "kep/vertex_set.hpp"
