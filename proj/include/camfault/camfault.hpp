// Copyright 2026 The camfault Authors.
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

#pragma once

#include "camfault/core/camera.hpp"
#include "camfault/core/image.hpp"
#include "camfault/core/png_io.hpp"
#include "camfault/core/rng.hpp"
#include "camfault/inject/injectors.hpp"
#include "camfault/inject/matrix.hpp"
#include "camfault/inject/params.hpp"
#include "camfault/inject/pipeline.hpp"
#include "camfault/labels/manifest.hpp"
#include "camfault/labels/masks.hpp"
#include "camfault/run/generate.hpp"
#include "camfault/scene/background.hpp"
#include "camfault/scene/geometry.hpp"
#include "camfault/scene/projection.hpp"
#include "camfault/scene/variables.hpp"
#include "camfault/textures/flare.hpp"
#include "camfault/textures/grain.hpp"
#include "camfault/textures/kernel.hpp"
#include "camfault/textures/texture.hpp"
#include "camfault/textures/vignette.hpp"
#include "camfault/version.hpp"
