#pragma once

#include "divalg/algebra.hpp"
#include "divalg/classify.hpp"
#include "divalg/generate.hpp"
#include "divalg/io.hpp"
#include "divalg/linalg.hpp"
#include "divalg/matrix.hpp"
#include "divalg/polynomial.hpp"
#include "divalg/quaternion.hpp"
#include "divalg/tolerance.hpp"
