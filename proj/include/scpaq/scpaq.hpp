#pragma once

// Umbrella header for the SC-PAQ perceptual quantization library.

#include "scpaq/analysis.hpp"
#include "scpaq/dct.hpp"
#include "scpaq/frame.hpp"
#include "scpaq/masking.hpp"
#include "scpaq/metrics.hpp"
#include "scpaq/parallel.hpp"
#include "scpaq/partition.hpp"
#include "scpaq/qp.hpp"
#include "scpaq/quant.hpp"
#include "scpaq/serialize.hpp"
#include "scpaq/simulate.hpp"
#include "scpaq/synthetic.hpp"
#include "scpaq/yuv.hpp"
