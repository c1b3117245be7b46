// include/csrnnt/base/utf8.h

// Copyright 2026  csrnnt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CSRNNT_BASE_UTF8_H_
#define CSRNNT_BASE_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace csrnnt {

// Decodes UTF-8 into code points. Malformed bytes decode to U+FFFD so the
// caller never has to handle a failure; classification treats them as
// neither Mandarin nor English.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(char32_t code_point);
std::string EncodeUtf8(std::u32string_view code_points);

// Splits a UTF-8 string into one string per code point.
std::vector<std::string> SplitUtf8Chars(std::string_view text);

}  // namespace csrnnt

#endif  // CSRNNT_BASE_UTF8_H_
