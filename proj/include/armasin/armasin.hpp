#ifndef ARMASIN_ARMASIN_HPP
#define ARMASIN_ARMASIN_HPP

#include "armasin/arma.hpp"
#include "armasin/bench.hpp"
#include "armasin/errors.hpp"
#include "armasin/filter_design.hpp"
#include "armasin/io.hpp"
#include "armasin/pipeline.hpp"
#include "armasin/series.hpp"
#include "armasin/spectrum.hpp"
#include "armasin/transfer_function.hpp"
#include "armasin/zero_phase.hpp"

#endif
