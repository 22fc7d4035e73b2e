#pragma once

#include "lunar/expr.hpp"
#include "lunar/magic.hpp"
#include "lunar/number.hpp"
#include "lunar/numtheory.hpp"
#include "lunar/search.hpp"
