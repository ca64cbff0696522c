#pragma once

#include "kep/generate.hpp"

namespace kep::testing {

using kep::RandomSuite;

} // namespace kep::testing
