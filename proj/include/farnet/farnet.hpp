#pragma once

#include <farnet/diagrams.hpp>
#include <farnet/distance.hpp>
#include <farnet/envelope.hpp>
#include <farnet/error.hpp>
#include <farnet/far_query.hpp>
#include <farnet/feedlink.hpp>
#include <farnet/generators.hpp>
#include <farnet/network.hpp>
#include <farnet/oracle.hpp>
#include <farnet/report.hpp>
#include <farnet/tolerance.hpp>
