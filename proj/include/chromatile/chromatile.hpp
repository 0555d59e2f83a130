#pragma once

#include "chromatile/checked.hpp"
#include "chromatile/coloring.hpp"
#include "chromatile/document.hpp"
#include "chromatile/error.hpp"
#include "chromatile/grid.hpp"
#include "chromatile/lattice.hpp"
#include "chromatile/layered.hpp"
#include "chromatile/lowerbound.hpp"
#include "chromatile/parallel.hpp"
#include "chromatile/rectcolor.hpp"
#include "chromatile/svg.hpp"
#include "chromatile/tiling.hpp"
