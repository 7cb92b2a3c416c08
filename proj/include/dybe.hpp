#pragma once

#include "dybe/errors.hpp"
#include "dybe/exchange.hpp"
#include "dybe/fusion.hpp"
#include "dybe/hyperg.hpp"
#include "dybe/intertwine.hpp"
#include "dybe/io.hpp"
#include "dybe/matrix.hpp"
#include "dybe/qdybe.hpp"
#include "dybe/ratfield.hpp"
#include "dybe/scalars.hpp"
#include "dybe/sl2.hpp"
#include "dybe/trace.hpp"
#include "dybe/universal.hpp"
#include "dybe/verify.hpp"
