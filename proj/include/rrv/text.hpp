#pragma once

#include <string>
#include <string_view>

namespace rrv {

// Unicode NFC normalisation of a UTF-8 string. Throws Error(InvalidArgument)
// on invalid UTF-8.
std::string nfc(std::string_view utf8);

}  // namespace rrv
