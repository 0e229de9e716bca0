// Copyright 2026 The Pyramid GA Authors.
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

#ifndef PYRAMID_GA_TEXT_FORMAT_H_
#define PYRAMID_GA_TEXT_FORMAT_H_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace pyramid_ga {

// One non-blank, comment-stripped line of a line-oriented data file.
struct TextLine {
  int number = 0;  // 1-based
  std::vector<std::string> tokens;
};

// Splits text into whitespace-separated tokens per line. '#' starts a comment
// that runs to the end of the line; lines left empty are dropped.
std::vector<TextLine> TokenizeLines(std::string_view text);
std::string ReadAll(std::istream& in);

// Strict integer / decimal parsing; throws ParseError carrying `line`.
long long ParseInteger(std::string_view token, int line);
double ParseDecimal(std::string_view token, int line);

// Shortest text that parses back to exactly `value`; locale independent.
std::string FormatShortest(double value);
// Fixed-point with `decimals` digits; locale independent.
std::string FormatFixed(double value, int decimals);

}  // namespace pyramid_ga

#endif  // PYRAMID_GA_TEXT_FORMAT_H_
