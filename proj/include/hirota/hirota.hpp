#pragma once

#include "hirota/errors.hpp"
#include "hirota/numerics/complex.hpp"
#include "hirota/numerics/laurent_jet.hpp"
#include "hirota/numerics/mat3.hpp"
#include "hirota/model.hpp"
#include "hirota/gdt.hpp"
#include "hirota/oracles.hpp"
#include "hirota/field.hpp"
#include "hirota/verify.hpp"
#include "hirota/app.hpp"
#include "hirota/studies.hpp"
