#include "fancross/svg.hpp"
