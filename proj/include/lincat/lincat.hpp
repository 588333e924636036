#pragma once

#include "lincat/error.hpp"
#include "lincat/rational.hpp"
#include "lincat/group.hpp"
#include "lincat/groupoid.hpp"
#include "lincat/pullback.hpp"
#include "lincat/linalg.hpp"
#include "lincat/rep.hpp"
#include "lincat/adjunction.hpp"
#include "lincat/twovect.hpp"
#include "lincat/lambda.hpp"
#include "lincat/suite.hpp"
#include "lincat/io.hpp"
