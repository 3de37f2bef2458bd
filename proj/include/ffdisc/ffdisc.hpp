#pragma once

#include "ffdisc/discrepancy.hpp"
#include "ffdisc/errors.hpp"
#include "ffdisc/finite_field.hpp"
#include "ffdisc/fixed_point.hpp"
#include "ffdisc/hankel.hpp"
#include "ffdisc/io.hpp"
#include "ffdisc/laurent.hpp"
#include "ffdisc/parallel.hpp"
#include "ffdisc/poly.hpp"
#include "ffdisc/sequences.hpp"
