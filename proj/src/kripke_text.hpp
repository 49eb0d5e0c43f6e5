#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hyperbmc/kripke.hpp"

namespace hyperbmc::detail {

/// State name -> annotation names, as read from "annot <id>: ..." lines.
using AnnotationLines = std::map<std::string, std::vector<std::string>>;

/// Shared structure parser. When `annotations` is null, "annot" lines are
/// a syntax error.
KripkeStructure parse_kripke_text(std::string_view text, AnnotationLines* annotations);

std::string read_file(const std::string& path);

}  // namespace hyperbmc::detail
