#pragma once

#include "basis.hpp"
#include "engine.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "image.hpp"
#include "interval.hpp"
#include "io/pgm.hpp"
#include "io/serialize.hpp"
#include "kernel.hpp"
#include "pattern.hpp"
#include "properties.hpp"
#include "set_operator.hpp"
#include "stack_operator.hpp"
#include "threshold.hpp"
#include "toolkit/builtins.hpp"
#include "toolkit/noise.hpp"
#include "toolkit/pipeline.hpp"
#include "toolkit/train.hpp"
#include "window.hpp"
