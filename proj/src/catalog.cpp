#include "fancross/catalog.hpp"
