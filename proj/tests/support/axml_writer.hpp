/*
 * Copyright (C) 2026 The Permdrift Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "permdrift/apk/axml.hpp"
#include "permdrift/util/bytes.hpp"

namespace permdrift::testsupport {

// Encode an element tree into the binary manifest format. Fixture-side
// counterpart of decode_axml: xmlns:* attributes become namespace
// chunks, "true"/"false" and integer-looking values become typed
// booleans and ints, everything else stays a pool string. The string
// pool is UTF-8 or UTF-16 per `utf8_pool` (real manifests use both).
Bytes encode_axml(const XmlNode& root, bool utf8_pool = true);

} // namespace permdrift::testsupport
