namespace a2 {}
