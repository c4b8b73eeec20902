#pragma once

#include "qotph/circuit.hpp"
#include "qotph/experiment.hpp"
#include "qotph/gates.hpp"
#include "qotph/io.hpp"
#include "qotph/keys.hpp"
#include "qotph/linalg.hpp"
#include "qotph/protocol.hpp"
#include "qotph/rewrite.hpp"
#include "qotph/statevector.hpp"
