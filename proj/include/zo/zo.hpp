#pragma once

#include "zo/ars.hpp"
#include "zo/core.hpp"
#include "zo/diagnostics.hpp"
#include "zo/errors.hpp"
#include "zo/estimators.hpp"
#include "zo/greedy.hpp"
#include "zo/testfns.hpp"
#include "zo/trace.hpp"
