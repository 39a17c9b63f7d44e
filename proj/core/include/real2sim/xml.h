// Copyright 2026 The real2sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REAL2SIM_XML_H_
#define REAL2SIM_XML_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace real2sim::scene {

// Minimal ordered DOM: elements, comments and non-blank text.
struct XmlNode {
  enum class Kind { kElement, kComment, kText };

  Kind kind = Kind::kElement;
  std::string name;  // element name
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlNode> children;
  std::string text;  // comment or text content
  int line = 0;

  static XmlNode Element(std::string name);
  static XmlNode Comment(std::string text);

  const std::string* Attribute(std::string_view key) const;
  void SetAttribute(const std::string& key, std::string value);
  XmlNode* FirstChild(std::string_view element_name);
  const XmlNode* FirstChild(std::string_view element_name) const;

  bool operator==(const XmlNode& other) const = default;
};

class XmlError : public std::runtime_error {
 public:
  XmlError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Returns the document element. Throws XmlError with the position of the
// first error.
XmlNode ParseXml(std::string_view text);

// Two-space indentation, one element per line, attributes in stored order.
std::string WriteXml(const XmlNode& root);

}  // namespace real2sim::scene

#endif  // REAL2SIM_XML_H_
