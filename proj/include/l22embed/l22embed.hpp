#pragma once

#include "l22embed/embedder.hpp"
#include "l22embed/error.hpp"
#include "l22embed/fixtures.hpp"
#include "l22embed/frechet.hpp"
#include "l22embed/graph.hpp"
#include "l22embed/io.hpp"
#include "l22embed/pipeline.hpp"
#include "l22embed/point_set.hpp"
#include "l22embed/rng.hpp"
#include "l22embed/sdp.hpp"
#include "l22embed/separation.hpp"
#include "l22embed/subspace.hpp"
#include "l22embed/triangle.hpp"
#include "l22embed/version.hpp"
#include "l22embed/von_neumann.hpp"
