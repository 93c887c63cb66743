#pragma once

#include "projbound/matrix.hpp"
#include "projbound/svd.hpp"
#include "projbound/pinv.hpp"
#include "projbound/pair.hpp"
#include "projbound/identities.hpp"
#include "projbound/bounds.hpp"
#include "projbound/random.hpp"
#include "projbound/experiments.hpp"
#include "projbound/io.hpp"
#include "projbound/svg.hpp"
