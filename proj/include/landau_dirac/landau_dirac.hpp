#pragma once

#include "landau_dirac/basis.hpp"
#include "landau_dirac/errors.hpp"
#include "landau_dirac/laguerre.hpp"
#include "landau_dirac/model.hpp"
#include "landau_dirac/printed_forms.hpp"
#include "landau_dirac/spectra.hpp"
#include "landau_dirac/spinors.hpp"
#include "landau_dirac/verify.hpp"
#include "landau_dirac/version.hpp"
