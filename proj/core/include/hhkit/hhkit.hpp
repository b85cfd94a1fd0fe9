#pragma once

#include "hhkit/error_function.hpp"
#include "hhkit/error_transforms.hpp"
#include "hhkit/errors.hpp"
#include "hhkit/inequality_lab.hpp"
#include "hhkit/phi_calculus.hpp"
#include "hhkit/phi_function.hpp"
#include "hhkit/quadrature.hpp"
#include "hhkit/special.hpp"
#include "hhkit/takagi.hpp"
#include "hhkit/weight.hpp"
#include "hhkit/weight_kernel.hpp"
