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

#include "real2sim/xml.h"

#include <expat.h>

#include <memory>

namespace real2sim::scene {
namespace {

struct BuildState {
  XML_Parser parser = nullptr;
  std::vector<XmlNode> stack;
  std::unique_ptr<XmlNode> root;
  std::string pending_text;
};

bool IsBlank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

void FlushText(BuildState& state) {
  if (!state.stack.empty() && !IsBlank(state.pending_text)) {
    XmlNode node;
    node.kind = XmlNode::Kind::kText;
    node.text = Trim(state.pending_text);
    state.stack.back().children.push_back(std::move(node));
  }
  state.pending_text.clear();
}

void XMLCALL OnStart(void* data, const XML_Char* name, const XML_Char** attributes) {
  auto& state = *static_cast<BuildState*>(data);
  FlushText(state);
  XmlNode node = XmlNode::Element(name);
  node.line = static_cast<int>(XML_GetCurrentLineNumber(state.parser));
  for (int i = 0; attributes[i] != nullptr; i += 2) {
    node.attributes.emplace_back(attributes[i], attributes[i + 1]);
  }
  state.stack.push_back(std::move(node));
}

void XMLCALL OnEnd(void* data, const XML_Char*) {
  auto& state = *static_cast<BuildState*>(data);
  FlushText(state);
  XmlNode node = std::move(state.stack.back());
  state.stack.pop_back();
  if (state.stack.empty()) {
    state.root = std::make_unique<XmlNode>(std::move(node));
  } else {
    state.stack.back().children.push_back(std::move(node));
  }
}

void XMLCALL OnText(void* data, const XML_Char* s, int len) {
  static_cast<BuildState*>(data)->pending_text.append(s, len);
}

void XMLCALL OnComment(void* data, const XML_Char* text) {
  auto& state = *static_cast<BuildState*>(data);
  if (state.stack.empty()) return;  // comments outside the root are dropped
  FlushText(state);
  state.stack.back().children.push_back(XmlNode::Comment(Trim(text)));
}

std::string Escape(const std::string& s, bool attribute) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) {
          out += "&quot;";
          break;
        }
        [[fallthrough]];
      default: out += c;
    }
  }
  return out;
}

void Write(const XmlNode& node, int depth, std::string& out) {
  const std::string indent(2 * depth, ' ');
  switch (node.kind) {
    case XmlNode::Kind::kComment:
      out += indent + "<!-- " + node.text + " -->\n";
      return;
    case XmlNode::Kind::kText:
      out += indent + Escape(node.text, false) + "\n";
      return;
    case XmlNode::Kind::kElement:
      break;
  }
  out += indent + "<" + node.name;
  for (const auto& [key, value] : node.attributes) {
    out += " " + key + "=\"" + Escape(value, true) + "\"";
  }
  if (node.children.empty()) {
    out += "/>\n";
    return;
  }
  out += ">\n";
  for (const auto& child : node.children) Write(child, depth + 1, out);
  out += indent + "</" + node.name + ">\n";
}

}  // namespace

XmlNode XmlNode::Element(std::string name) {
  XmlNode node;
  node.kind = Kind::kElement;
  node.name = std::move(name);
  return node;
}

XmlNode XmlNode::Comment(std::string text) {
  XmlNode node;
  node.kind = Kind::kComment;
  node.text = std::move(text);
  return node;
}

const std::string* XmlNode::Attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

void XmlNode::SetAttribute(const std::string& key, std::string value) {
  for (auto& [k, v] : attributes) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  attributes.emplace_back(key, std::move(value));
}

XmlNode* XmlNode::FirstChild(std::string_view element_name) {
  for (auto& child : children) {
    if (child.kind == Kind::kElement && child.name == element_name) return &child;
  }
  return nullptr;
}

const XmlNode* XmlNode::FirstChild(std::string_view element_name) const {
  return const_cast<XmlNode*>(this)->FirstChild(element_name);
}

XmlNode ParseXml(std::string_view text) {
  BuildState state;
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  state.parser = parser.get();
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), OnStart, OnEnd);
  XML_SetCharacterDataHandler(parser.get(), OnText);
  XML_SetCommentHandler(parser.get(), OnComment);
  if (XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    throw XmlError(static_cast<int>(XML_GetCurrentLineNumber(parser.get())),
                   static_cast<int>(XML_GetCurrentColumnNumber(parser.get())),
                   XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!state.root) throw XmlError(1, 0, "no document element");
  return std::move(*state.root);
}

std::string WriteXml(const XmlNode& root) {
  std::string out;
  Write(root, 0, out);
  return out;
}

}  // namespace real2sim::scene
