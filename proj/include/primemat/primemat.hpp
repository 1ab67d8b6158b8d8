#pragma once

#include "primemat/classifier.hpp"
#include "primemat/density.hpp"
#include "primemat/errors.hpp"
#include "primemat/identities.hpp"
#include "primemat/matrix.hpp"
#include "primemat/primorial.hpp"
#include "primemat/redistribution.hpp"
#include "primemat/sieve.hpp"
