#pragma once

#include "geom3/catalog.hpp"
#include "geom3/classify.hpp"
#include "geom3/cohomology.hpp"
#include "geom3/diffgeo.hpp"
#include "geom3/io.hpp"
#include "geom3/lie.hpp"
#include "geom3/rep.hpp"
