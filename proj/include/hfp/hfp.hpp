#pragma once

#include <hfp/charvec.hpp>
#include <hfp/errors.hpp>
#include <hfp/families.hpp>
#include <hfp/fullpath.hpp>
#include <hfp/io.hpp>
#include <hfp/kplus.hpp>
#include <hfp/numeric.hpp>
#include <hfp/plumbing.hpp>
