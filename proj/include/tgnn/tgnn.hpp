// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tgnn/adapters.hpp"
#include "tgnn/bisim.hpp"
#include "tgnn/charform.hpp"
#include "tgnn/compiler.hpp"
#include "tgnn/embedding.hpp"
#include "tgnn/errors.hpp"
#include "tgnn/formula.hpp"
#include "tgnn/generators.hpp"
#include "tgnn/gnn.hpp"
#include "tgnn/graph.hpp"
#include "tgnn/io.hpp"
#include "tgnn/modelcheck.hpp"
#include "tgnn/multiset.hpp"
#include "tgnn/parser.hpp"
#include "tgnn/template.hpp"
#include "tgnn/twl.hpp"
