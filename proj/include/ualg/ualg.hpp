#pragma once

#include <ualg/algebra.hpp>
#include <ualg/enumerate.hpp>
#include <ualg/equations.hpp>
#include <ualg/error.hpp>
#include <ualg/examples.hpp>
#include <ualg/free_algebra.hpp>
#include <ualg/signature.hpp>
#include <ualg/term_text.hpp>
#include <ualg/term_vm.hpp>
