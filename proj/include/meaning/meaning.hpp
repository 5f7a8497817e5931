#pragma once

#include "meaning/binary.hpp"
#include "meaning/eval.hpp"
#include "meaning/judgment.hpp"
#include "meaning/kripke.hpp"
#include "meaning/rules.hpp"
#include "meaning/term.hpp"
#include "meaning/unary.hpp"
