#ifndef HEIS_HEIS_HPP
#define HEIS_HEIS_HPP

#include "heis/balls.hpp"
#include "heis/boundary.hpp"
#include "heis/covering.hpp"
#include "heis/ergodic.hpp"
#include "heis/errors.hpp"
#include "heis/fibers.hpp"
#include "heis/group.hpp"
#include "heis/io.hpp"
#include "heis/metric.hpp"
#include "heis/rational.hpp"
#include "heis/rng.hpp"
#include "heis/separation.hpp"

#endif  // HEIS_HEIS_HPP
