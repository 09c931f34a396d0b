#pragma once

// Umbrella header: the whole laboratory.

#include "lonerun/big.hpp"
#include "lonerun/certificate.hpp"
#include "lonerun/circle.hpp"
#include "lonerun/distance_graph.hpp"
#include "lonerun/experiments.hpp"
#include "lonerun/fourier.hpp"
#include "lonerun/int128.hpp"
#include "lonerun/kappa.hpp"
#include "lonerun/primes.hpp"
#include "lonerun/rational.hpp"
#include "lonerun/rng.hpp"
#include "lonerun/serialize.hpp"
#include "lonerun/speed_set.hpp"
#include "lonerun/zp.hpp"
