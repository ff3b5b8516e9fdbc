#ifndef MLAB_MLAB_HPP
#define MLAB_MLAB_HPP

#include "mlab/cech.hpp"
#include "mlab/decompose.hpp"
#include "mlab/dualext.hpp"
#include "mlab/groebner.hpp"
#include "mlab/inverse.hpp"
#include "mlab/laurent.hpp"
#include "mlab/parse.hpp"
#include "mlab/tower.hpp"

#endif
