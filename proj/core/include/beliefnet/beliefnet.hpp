#pragma once

#include "beliefnet/analysis.hpp"
#include "beliefnet/axioms.hpp"
#include "beliefnet/dynamics.hpp"
#include "beliefnet/errors.hpp"
#include "beliefnet/evolution.hpp"
#include "beliefnet/families.hpp"
#include "beliefnet/isomorphism.hpp"
#include "beliefnet/network.hpp"
#include "beliefnet/profile.hpp"
#include "beliefnet/trace_io.hpp"
#include "beliefnet/version.hpp"
