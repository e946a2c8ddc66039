#ifndef EQPSG_EQPSG_HPP
#define EQPSG_EQPSG_HPP

#include "betti.hpp"
#include "bresinsky.hpp"
#include "errors.hpp"
#include "factorization.hpp"
#include "family.hpp"
#include "numeric.hpp"
#include "numerical_semigroup.hpp"
#include "polynomial.hpp"
#include "presburger.hpp"
#include "quasi_polynomial.hpp"
#include "report.hpp"
#include "simplicial.hpp"
#include "sweep.hpp"

#endif // EQPSG_EQPSG_HPP
