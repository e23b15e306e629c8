#pragma once

#include <stdexcept>
#include <string>

namespace subs2net {

// Base for all toolkit errors so callers can catch one type at the CLI edge.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public Error { public: using Error::Error; };
class EncodingError : public Error { public: using Error::Error; };
class EmptyDocumentError : public Error { public: using Error::Error; };
class MissingColumnError : public Error { public: using Error::Error; };
class EmptyCorpusError : public Error { public: using Error::Error; };
class UnsupportedFormatError : public Error { public: using Error::Error; };
class UnknownVertexError : public Error { public: using Error::Error; };
class EmptyInputError : public Error { public: using Error::Error; };
class EmptySampleError : public Error { public: using Error::Error; };
class SingleClassError : public Error { public: using Error::Error; };
class TooFewExamplesError : public Error { public: using Error::Error; };
class SchemaMismatchError : public Error { public: using Error::Error; };
class KTooLargeError : public Error { public: using Error::Error; };
class EmptyReferenceError : public Error { public: using Error::Error; };
class ManifestError : public Error { public: using Error::Error; };

}  // namespace subs2net
