#pragma once

#include "posetbal/errors.hpp"
#include "posetbal/rational.hpp"
#include "posetbal/element_set.hpp"
#include "posetbal/poset.hpp"
#include "posetbal/poset_io.hpp"
#include "posetbal/canonical.hpp"
#include "posetbal/ideal_lattice.hpp"
#include "posetbal/extensions.hpp"
#include "posetbal/random.hpp"
#include "posetbal/sampler.hpp"
#include "posetbal/check_report.hpp"
#include "posetbal/geometry.hpp"
#include "posetbal/balance.hpp"
#include "posetbal/families.hpp"
#include "posetbal/trend.hpp"
#include "posetbal/verifier.hpp"
#include "posetbal/config.hpp"
