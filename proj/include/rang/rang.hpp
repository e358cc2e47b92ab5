// Copyright 2026 The RANG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header.

#pragma once

#include "rang/centrality.hpp"
#include "rang/classify.hpp"
#include "rang/community.hpp"
#include "rang/compare.hpp"
#include "rang/error.hpp"
#include "rang/generate.hpp"
#include "rang/graph.hpp"
#include "rang/ingest.hpp"
#include "rang/model.hpp"
#include "rang/pipeline.hpp"
#include "rang/stability.hpp"
