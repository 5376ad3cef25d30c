#pragma once

#include "error.hpp"
#include "modular.hpp"
#include "bits.hpp"
#include "sets.hpp"
#include "sumset.hpp"
#include "classify.hpp"
#include "gaps.hpp"
#include "verify/spec.hpp"
#include "verify/enumerate.hpp"
#include "verify/report.hpp"
#include "verify/checkpoint.hpp"
#include "verify/sweep.hpp"
