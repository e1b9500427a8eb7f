// Umbrella header.
#pragma once

#include "lpnb/algebra.hpp"
#include "lpnb/errors.hpp"
#include "lpnb/flows.hpp"
#include "lpnb/full_state.hpp"
#include "lpnb/invariants.hpp"
#include "lpnb/io.hpp"
#include "lpnb/mass_system.hpp"
#include "lpnb/oracle.hpp"
#include "lpnb/orbits.hpp"
#include "lpnb/pair_index.hpp"
#include "lpnb/quadratic_form.hpp"
#include "lpnb/reduced_state.hpp"
#include "lpnb/sampling.hpp"
#include "lpnb/schemes.hpp"
#include "lpnb/structure_matrix.hpp"
