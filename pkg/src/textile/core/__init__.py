# Core combinatorics and algebra, no I/O
