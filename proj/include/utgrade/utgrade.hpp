#pragma once

#include "utgrade/group.hpp"
#include "utgrade/grading.hpp"
#include "utgrade/homogeneity.hpp"
#include "utgrade/field.hpp"
#include "utgrade/matrix.hpp"
#include "utgrade/linear_map.hpp"
#include "utgrade/classify.hpp"
#include "utgrade/verify.hpp"
