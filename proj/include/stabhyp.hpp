#pragma once

#include "stabhyp/cyclo.hpp"
#include "stabhyp/parse.hpp"
#include "stabhyp/geom.hpp"
#include "stabhyp/arrangement.hpp"
#include "stabhyp/poset.hpp"
#include "stabhyp/convolve.hpp"
#include "stabhyp/transform.hpp"
#include "stabhyp/structure.hpp"
#include "stabhyp/classify.hpp"
#include "stabhyp/pfaffian.hpp"
#include "stabhyp/oracle.hpp"
#include "stabhyp/io.hpp"
