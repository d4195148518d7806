#pragma once

#include "jrmt/cdkernel.hpp"
#include "jrmt/empirics.hpp"
#include "jrmt/ensembles.hpp"
#include "jrmt/error.hpp"
#include "jrmt/fredholm.hpp"
#include "jrmt/limits.hpp"
#include "jrmt/matalg.hpp"
#include "jrmt/orthopoly.hpp"
#include "jrmt/parallel.hpp"
#include "jrmt/params.hpp"
#include "jrmt/quadrature.hpp"
#include "jrmt/randgen.hpp"
#include "jrmt/scaled_value.hpp"
#include "jrmt/special_functions.hpp"
