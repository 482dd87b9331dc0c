#ifndef SQG_SQG_HPP
#define SQG_SQG_HPP

// Umbrella header: pseudo-spectral solver for the dissipative surface
// quasi-geostrophic equation with Littlewood-Paley analysis utilities.

#include "sqg/grid.hpp"
#include "sqg/field.hpp"
#include "sqg/fft.hpp"
#include "sqg/operators.hpp"
#include "sqg/mollifier.hpp"
#include "sqg/decomposition.hpp"
#include "sqg/besov.hpp"
#include "sqg/trajectory.hpp"
#include "sqg/chemin.hpp"
#include "sqg/scaling.hpp"
#include "sqg/criterion.hpp"
#include "sqg/lemmas.hpp"
#include "sqg/etd.hpp"
#include "sqg/initial_data.hpp"
#include "sqg/solver.hpp"
#include "sqg/picard.hpp"
#include "sqg/monitor.hpp"
#include "sqg/checkpoint.hpp"
#include "sqg/reports.hpp"
#include "sqg/config.hpp"
#include "sqg/manifest.hpp"

#endif
