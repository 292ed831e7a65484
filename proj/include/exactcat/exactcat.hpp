#ifndef EXACTCAT_EXACTCAT_HPP
#define EXACTCAT_EXACTCAT_HPP

#include "exactcat/axioms.hpp"
#include "exactcat/category.hpp"
#include "exactcat/cyclicmod.hpp"
#include "exactcat/exact.hpp"
#include "exactcat/linrep.hpp"
#include "exactcat/schanuel.hpp"
#include "exactcat/serialize.hpp"
#include "exactcat/splitex.hpp"

#endif  // EXACTCAT_EXACTCAT_HPP
