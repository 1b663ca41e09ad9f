#pragma once

#include "horopack/errors.hpp"
#include "horopack/lorentz.hpp"
#include "horopack/coxeter.hpp"
#include "horopack/hull.hpp"
#include "horopack/volume.hpp"
#include "horopack/cell.hpp"
#include "horopack/horoball.hpp"
#include "horopack/packing.hpp"
#include "horopack/report.hpp"
#include "horopack/reference.hpp"
