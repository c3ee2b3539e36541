#pragma once

#include "matball/errors.hpp"
#include "matball/numeric.hpp"
#include "matball/special.hpp"
#include "matball/spherical.hpp"
#include "matball/boundary.hpp"
#include "matball/hua.hpp"
#include "matball/identities.hpp"
#include "matball/experiments.hpp"
#include "matball/csv.hpp"
#include "matball/verification.hpp"
