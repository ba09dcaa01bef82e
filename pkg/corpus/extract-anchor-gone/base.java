	public void addListener(O obj) {
		notNull(obj);
		validate(obj);
		Listeners.add(obj.getListener());
	}

}
