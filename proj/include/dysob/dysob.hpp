#ifndef DYSOB_DYSOB_HPP
#define DYSOB_DYSOB_HPP

// Umbrella header.

#include "dysob/capacity.hpp"
#include "dysob/carleson.hpp"
#include "dysob/dyadic_index.hpp"
#include "dysob/haar.hpp"
#include "dysob/io.hpp"
#include "dysob/norms.hpp"
#include "dysob/operators.hpp"
#include "dysob/parallel.hpp"
#include "dysob/random.hpp"
#include "dysob/spectral.hpp"
#include "dysob/step_function.hpp"
#include "dysob/suites.hpp"

#endif  // DYSOB_DYSOB_HPP
