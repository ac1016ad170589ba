#pragma once

#include "mglasso/errors.hpp"
#include "mglasso/evaluation.hpp"
#include "mglasso/io.hpp"
#include "mglasso/mb.hpp"
#include "mglasso/model.hpp"
#include "mglasso/objective.hpp"
#include "mglasso/path.hpp"
#include "mglasso/preprocess.hpp"
#include "mglasso/rng.hpp"
#include "mglasso/solver.hpp"
#include "mglasso/stars.hpp"
#include "mglasso/synthetic.hpp"
#include "mglasso/types.hpp"
