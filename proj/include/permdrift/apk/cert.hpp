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

#include <optional>
#include <string>

#include "permdrift/util/bytes.hpp"

namespace permdrift {

class ZipReader;

// SHA-256 hex of the first signer certificate. Prefers the v2+/v3 APK
// Signing Block; falls back to the DER certificate inside the PKCS#7
// blob under META-INF. Absence (unsigned APK) is a value, not an error.
std::optional<std::string> cert_digest(ByteView apk_bytes, const ZipReader& zip);

} // namespace permdrift
