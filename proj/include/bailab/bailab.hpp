#pragma once

#include "bailab/arms.hpp"
#include "bailab/complexity.hpp"
#include "bailab/config.hpp"
#include "bailab/errors.hpp"
#include "bailab/policies.hpp"
#include "bailab/report_io.hpp"
#include "bailab/rng.hpp"
#include "bailab/simulate.hpp"
#include "bailab/transport.hpp"
