#pragma once

#include "meshlimit/analysis.hpp"
#include "meshlimit/enumerate.hpp"
#include "meshlimit/exact.hpp"
#include "meshlimit/formulas.hpp"
#include "meshlimit/occurrence.hpp"
#include "meshlimit/parse.hpp"
#include "meshlimit/pattern.hpp"
#include "meshlimit/permutation.hpp"
