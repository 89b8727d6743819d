#pragma once

#include <covertrees/big_integer.hpp>
#include <covertrees/covers.hpp>
#include <covertrees/errors.hpp>
#include <covertrees/identities.hpp>
#include <covertrees/int_matrix.hpp>
#include <covertrees/multigraph.hpp>
#include <covertrees/spanning.hpp>
