// Copyright 2026 The qsc Authors
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

#include <string>

namespace qsc::tools {

// Downloads the four canonical MNIST .gz files from base_url, inflates them,
// validates the IDX headers against the expected shapes, writes the raw IDX
// files into dest_dir, and prints each file's SHA-256 for verification
// against published digests.
void fetch_mnist(const std::string& base_url, const std::string& dest_dir);

}  // namespace qsc::tools
