#pragma once

#include "qprobe/alpha_fidelity.hpp"
#include "qprobe/errors.hpp"
#include "qprobe/fixtures.hpp"
#include "qprobe/hermitian.hpp"
#include "qprobe/io.hpp"
#include "qprobe/photonic_channel.hpp"
#include "qprobe/probing_bounds.hpp"
#include "qprobe/scenario.hpp"
#include "qprobe/spectra.hpp"
#include "qprobe/tomography.hpp"
