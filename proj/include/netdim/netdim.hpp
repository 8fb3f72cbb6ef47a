#ifndef NETDIM_NETDIM_HPP
#define NETDIM_NETDIM_HPP

#include "netdim/access.hpp"
#include "netdim/catalog.hpp"
#include "netdim/cdn.hpp"
#include "netdim/config.hpp"
#include "netdim/corenet.hpp"
#include "netdim/demand.hpp"
#include "netdim/errors.hpp"
#include "netdim/longhaul.hpp"
#include "netdim/peakstats.hpp"
#include "netdim/report.hpp"
#include "netdim/scenario.hpp"
#include "netdim/service.hpp"

#endif // NETDIM_NETDIM_HPP
