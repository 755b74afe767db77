#include "zadic/errors.hpp"

namespace zadic {

ParseError::ParseError(int line, int column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line), column_(column), detail_(what)
{
}

void require_certificate(bool ok, const std::string& what)
{
    if (!ok)
        throw CertificateFailure("certificate check failed: " + what);
}

} // namespace zadic
