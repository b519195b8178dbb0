#pragma once

#include "gaussprod/arith.hpp"
#include "gaussprod/classnum.hpp"
#include "gaussprod/error.hpp"
#include "gaussprod/products.hpp"
#include "gaussprod/scan.hpp"
#include "gaussprod/selftest.hpp"
#include "gaussprod/theorems.hpp"
#include "gaussprod/verdict.hpp"
