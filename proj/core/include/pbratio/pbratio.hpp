#pragma once

#include "pbratio/bounds.hpp"
#include "pbratio/error.hpp"
#include "pbratio/oracle.hpp"
#include "pbratio/parameters.hpp"
#include "pbratio/pmf.hpp"
#include "pbratio/ratio.hpp"
#include "pbratio/ray.hpp"
#include "pbratio/tolerance.hpp"
#include "pbratio/verdict.hpp"
