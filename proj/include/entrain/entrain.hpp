// entrain/entrain.hpp

// Copyright 2026  The entrain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Convenience header pulling in the whole library.

#ifndef ENTRAIN_ENTRAIN_HPP_
#define ENTRAIN_ENTRAIN_HPP_

#include "entrain/analyze.hpp"
#include "entrain/annotation.hpp"
#include "entrain/corpus.hpp"
#include "entrain/error.hpp"
#include "entrain/expression.hpp"
#include "entrain/filter.hpp"
#include "entrain/lexicon.hpp"
#include "entrain/measures.hpp"
#include "entrain/normalize.hpp"
#include "entrain/pipeline.hpp"
#include "entrain/porter.hpp"
#include "entrain/rational.hpp"
#include "entrain/resources.hpp"
#include "entrain/task.hpp"
#include "entrain/token.hpp"

#endif  // ENTRAIN_ENTRAIN_HPP_
