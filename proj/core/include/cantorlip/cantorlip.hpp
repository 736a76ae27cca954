#pragma once

#include "cantorlip/acceptance.hpp"
#include "cantorlip/errors.hpp"
#include "cantorlip/lipnorms.hpp"
#include "cantorlip/optimization.hpp"
#include "cantorlip/oracle.hpp"
#include "cantorlip/parallel.hpp"
#include "cantorlip/radicals.hpp"
#include "cantorlip/random.hpp"
#include "cantorlip/rational.hpp"
#include "cantorlip/walsh.hpp"
