#pragma once

#include "jproc/quat.hpp"
#include "jproc/manifold.hpp"
#include "jproc/maps.hpp"
#include "jproc/verify.hpp"
#include "jproc/io.hpp"
#include "jproc/registry.hpp"
