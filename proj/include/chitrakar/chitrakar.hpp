#pragma once

#include "config.hpp"
#include "emit.hpp"
#include "error.hpp"
#include "filters.hpp"
#include "geometry.hpp"
#include "grid.hpp"
#include "image.hpp"
#include "motion.hpp"
#include "pipeline.hpp"
#include "raster.hpp"
#include "server.hpp"
#include "stipple.hpp"
#include "synthetic.hpp"
#include "tour.hpp"
#include "uncross.hpp"
