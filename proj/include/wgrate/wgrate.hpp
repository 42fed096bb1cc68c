#pragma once

#include "wgrate/capacity.hpp"
#include "wgrate/dispersion.hpp"
#include "wgrate/modes.hpp"
#include "wgrate/spectral.hpp"
#include "wgrate/verify.hpp"
