#ifndef I2PR_I2PR_HPP_
#define I2PR_I2PR_HPP_

#include "i2pr/centrality.hpp"
#include "i2pr/community.hpp"
#include "i2pr/error.hpp"
#include "i2pr/graph.hpp"
#include "i2pr/graph_io.hpp"
#include "i2pr/ingest.hpp"
#include "i2pr/metrics.hpp"
#include "i2pr/percolation.hpp"
#include "i2pr/report.hpp"
#include "i2pr/rng.hpp"
#include "i2pr/synthgen.hpp"

#endif  // I2PR_I2PR_HPP_
