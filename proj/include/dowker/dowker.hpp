#pragma once

// Umbrella header.

#include "dowker/collapse.hpp"
#include "dowker/complex_io.hpp"
#include "dowker/error.hpp"
#include "dowker/homology.hpp"
#include "dowker/reducer.hpp"
#include "dowker/relation.hpp"
#include "dowker/toplex_list.hpp"
