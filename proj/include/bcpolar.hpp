#pragma once

#include "bcpolar/bc.hpp"
#include "bcpolar/classic.hpp"
#include "bcpolar/errors.hpp"
#include "bcpolar/field.hpp"
#include "bcpolar/io.hpp"
#include "bcpolar/linmem.hpp"
#include "bcpolar/matrix.hpp"
#include "bcpolar/reduction.hpp"
#include "bcpolar/subspace.hpp"
#include "bcpolar/suite.hpp"
