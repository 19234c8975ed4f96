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
#include <string_view>
#include <vector>

#include "permdrift/util/bytes.hpp"

namespace permdrift {

struct XmlAttr {
    std::string name;        // qualified, e.g. "android:name" or "package"
    std::string value;       // canonical text form ("true", "7", raw string)
    uint32_t resource_id = 0;

    bool operator==(const XmlAttr& o) const {
        return name == o.name && value == o.value && resource_id == o.resource_id;
    }
};

struct XmlNode {
    std::string tag;
    std::vector<XmlAttr> attributes;
    std::vector<XmlNode> children;

    std::optional<std::string> attr(std::string_view name) const;
    const XmlNode* child(std::string_view tag) const;

    bool operator==(const XmlNode& o) const {
        return tag == o.tag && attributes == o.attributes && children == o.children;
    }
};

// True when the buffer starts with the binary-XML file chunk header
// (type 0x0003, header size 8).
bool is_axml(ByteView data);

// Decode a binary AndroidManifest.xml into an element tree. Namespace
// URIs are folded back to their declared prefixes and xmlns attributes
// are re-attached to the element that opened the scope, so a decoded
// tree compares equal to a plaintext parse of the same document.
// Throws MalformedManifest on truncated chunks, out-of-range string
// indices, or unbalanced elements.
XmlNode decode_axml(ByteView data);

// Parse plaintext XML (test fixtures, development manifests). Accepts a
// declaration, comments, and attribute entities; rejects mismatched tags.
// Throws MalformedManifest.
XmlNode parse_xml_text(std::string_view text);

} // namespace permdrift
