#pragma once

#include "flora/config.hpp"
#include "flora/error.hpp"
#include "flora/evaluation.hpp"
#include "flora/io.hpp"
#include "flora/manifest.hpp"
#include "flora/pricing.hpp"
#include "flora/selector.hpp"
#include "flora/stats.hpp"
#include "flora/synth.hpp"
#include "flora/trace.hpp"
