#ifndef FUZZY_FUZZY_HPP
#define FUZZY_FUZZY_HPP

#include "error.hpp"
#include "matrix.hpp"
#include "types.hpp"
#include "updates.hpp"
#include "fit.hpp"
#include "datagen.hpp"
#include "eval.hpp"
#include "io.hpp"
#include "svg.hpp"

#endif  // FUZZY_FUZZY_HPP
