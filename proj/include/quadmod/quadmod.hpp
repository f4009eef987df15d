#pragma once

#include "quadmod/classify.hpp"
#include "quadmod/complex.hpp"
#include "quadmod/dynamics.hpp"
#include "quadmod/error.hpp"
#include "quadmod/map_form.hpp"
#include "quadmod/moduli.hpp"
#include "quadmod/ppm.hpp"
#include "quadmod/raster.hpp"
#include "quadmod/sampling.hpp"
#include "quadmod/sphere.hpp"
#include "quadmod/twist.hpp"
#include "quadmod/verify.hpp"
