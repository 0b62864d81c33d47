#pragma once

#include "dint/bfunction.hpp"
#include "dint/coeff.hpp"
#include "dint/groebner.hpp"
#include "dint/hyperexp.hpp"
#include "dint/integration.hpp"
#include "dint/orders.hpp"
#include "dint/parser.hpp"
#include "dint/poly.hpp"
#include "dint/printer.hpp"
#include "dint/signature.hpp"
#include "dint/weyl.hpp"
