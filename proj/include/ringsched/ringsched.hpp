#pragma once

#include "ringsched/allocator.hpp"
#include "ringsched/costmodel.hpp"
#include "ringsched/error.hpp"
#include "ringsched/files.hpp"
#include "ringsched/fitting.hpp"
#include "ringsched/nnls.hpp"
#include "ringsched/placement.hpp"
#include "ringsched/report.hpp"
#include "ringsched/serialization.hpp"
#include "ringsched/simulator.hpp"
#include "ringsched/trace.hpp"
#include "ringsched/workload.hpp"
