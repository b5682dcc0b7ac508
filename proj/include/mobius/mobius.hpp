#pragma once

#include "mobius/arithmetic.hpp"
#include "mobius/cosheaf.hpp"
#include "mobius/errors.hpp"
#include "mobius/finite_abelian.hpp"
#include "mobius/galois.hpp"
#include "mobius/grothendieck.hpp"
#include "mobius/incidence.hpp"
#include "mobius/mobius_homology.hpp"
#include "mobius/module.hpp"
#include "mobius/order_complex.hpp"
#include "mobius/persistence.hpp"
#include "mobius/poset.hpp"
#include "mobius/smith.hpp"
#include "mobius/vector_spaces.hpp"
