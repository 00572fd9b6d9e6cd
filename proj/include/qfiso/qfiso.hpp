#pragma once

#include "qfiso/version.hpp"

#include "qfiso/exact/interval.hpp"
#include "qfiso/exact/matrix.hpp"
#include "qfiso/exact/pilaurent.hpp"
#include "qfiso/exact/qsqrt2.hpp"
#include "qfiso/exact/rational.hpp"
#include "qfiso/exact/ratfunc.hpp"

#include "qfiso/local/rho_local.hpp"
#include "qfiso/local/tables.hpp"

#include "qfiso/padic/decide.hpp"
#include "qfiso/padic/modp.hpp"
#include "qfiso/padic/monte_carlo.hpp"
#include "qfiso/padic/oracle.hpp"
#include "qfiso/padic/quad_form.hpp"
#include "qfiso/padic/reduce.hpp"
#include "qfiso/padic/sampler.hpp"

#include "qfiso/real/gamma_beta.hpp"
#include "qfiso/real/goe_mc.hpp"
#include "qfiso/real/pfaffian.hpp"
#include "qfiso/real/rho_infinity.hpp"

#include "qfiso/global/euler_product.hpp"
#include "qfiso/global/rho_global.hpp"
