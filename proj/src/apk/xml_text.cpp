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

#include <cctype>

#include "permdrift/apk/axml.hpp"
#include "permdrift/errors.hpp"

namespace permdrift {

namespace {

// Small recursive-descent parser for the plaintext manifest subset:
// declaration, comments, nested elements, attributes. Text content is
// skipped; manifests carry structure only.
class TextXmlParser {
public:
    explicit TextXmlParser(std::string_view text) : text_(text) {}

    XmlNode parse() {
        skip_prolog();
        XmlNode root = parse_element();
        skip_misc();
        if (pos_ != text_.size()) throw MalformedManifest("trailing content after root");
        return root;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool try_consume(std::string_view token) {
        if (text_.substr(pos_).starts_with(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void skip_comment() {
        size_t end = text_.find("-->", pos_);
        if (end == std::string_view::npos) throw MalformedManifest("unterminated comment");
        pos_ = end + 3;
    }

    void skip_prolog() {
        // Byte-order mark, declaration, comments.
        if (text_.substr(pos_).starts_with("\xef\xbb\xbf")) pos_ += 3;
        skip_misc();
        if (try_consume("<?xml")) {
            size_t end = text_.find("?>", pos_);
            if (end == std::string_view::npos) throw MalformedManifest("unterminated declaration");
            pos_ = end + 2;
        }
        skip_misc();
    }

    void skip_misc() {
        while (true) {
            skip_ws();
            if (try_consume("<!--")) {
                skip_comment();
            } else {
                break;
            }
        }
    }

    std::string parse_name() {
        size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
                c == '.' || c == ':') {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ == start) throw MalformedManifest("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string decode_entities(std::string_view raw) {
        std::string out;
        out.reserve(raw.size());
        for (size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out.push_back(raw[i]);
                continue;
            }
            auto rest = raw.substr(i);
            if (rest.starts_with("&amp;")) {
                out.push_back('&');
                i += 4;
            } else if (rest.starts_with("&lt;")) {
                out.push_back('<');
                i += 3;
            } else if (rest.starts_with("&gt;")) {
                out.push_back('>');
                i += 3;
            } else if (rest.starts_with("&quot;")) {
                out.push_back('"');
                i += 5;
            } else if (rest.starts_with("&apos;")) {
                out.push_back('\'');
                i += 5;
            } else {
                throw MalformedManifest("unknown entity");
            }
        }
        return out;
    }

    XmlAttr parse_attribute() {
        XmlAttr attr;
        attr.name = parse_name();
        skip_ws();
        if (!try_consume("=")) throw MalformedManifest("attribute missing '='");
        skip_ws();
        if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) {
            throw MalformedManifest("attribute value must be quoted");
        }
        char quote = text_[pos_++];
        size_t end = text_.find(quote, pos_);
        if (end == std::string_view::npos) throw MalformedManifest("unterminated attribute value");
        attr.value = decode_entities(text_.substr(pos_, end - pos_));
        pos_ = end + 1;
        return attr;
    }

    XmlNode parse_element() {
        if (!try_consume("<")) throw MalformedManifest("expected an element");
        XmlNode node;
        node.tag = parse_name();
        while (true) {
            skip_ws();
            if (try_consume("/>")) return node;
            if (try_consume(">")) break;
            node.attributes.push_back(parse_attribute());
        }
        // Children until the matching close tag.
        while (true) {
            skip_ws();
            if (try_consume("<!--")) {
                skip_comment();
                continue;
            }
            if (text_.substr(pos_).starts_with("</")) {
                pos_ += 2;
                std::string closing = parse_name();
                if (closing != node.tag) throw MalformedManifest("mismatched close tag");
                skip_ws();
                if (!try_consume(">")) throw MalformedManifest("malformed close tag");
                return node;
            }
            if (text_.substr(pos_).starts_with("<")) {
                node.children.push_back(parse_element());
                continue;
            }
            // Text content: skip to the next markup.
            size_t next = text_.find('<', pos_);
            if (next == std::string_view::npos) throw MalformedManifest("unterminated element");
            pos_ = next;
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
};

} // namespace

XmlNode parse_xml_text(std::string_view text) {
    return TextXmlParser(text).parse();
}

} // namespace permdrift
