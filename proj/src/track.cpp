namespace pgmt {}
