#ifndef QDIV_QDIV_HPP
#define QDIV_QDIV_HPP

/*
 *  umbrella header
 */

#include "core.hpp"
#include "extended_real.hpp"
#include "operators.hpp"
#include "divergence_function.hpp"
#include "perspective.hpp"
#include "fdiv.hpp"
#include "channels.hpp"
#include "reversibility.hpp"
#include "measured.hpp"
#include "azrenyi.hpp"
#include "paperlab.hpp"
#include "json_io.hpp"

#endif // QDIV_QDIV_HPP
