// Umbrella header.
#pragma once

#include "rfkit/classes.hpp"
#include "rfkit/cremona.hpp"
#include "rfkit/ech.hpp"
#include "rfkit/exact.hpp"
#include "rfkit/interval.hpp"
#include "rfkit/rf.hpp"
#include "rfkit/scan.hpp"
#include "rfkit/selftest.hpp"
#include "rfkit/serialize.hpp"
#include "rfkit/weights.hpp"
